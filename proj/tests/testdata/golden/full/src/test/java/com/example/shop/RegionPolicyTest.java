package com.example.shop;

import static org.junit.Assert.assertEquals;
import static org.junit.Assert.assertFalse;
import static org.junit.Assert.assertTrue;
import static org.mockito.Mockito.mock;
import static org.mockito.Mockito.when;

import org.junit.Before;
import org.junit.Test;

public class RegionPolicyTest {
    private RegionPolicy policy;

    @Before
    public void setUp() {
        policy = new RegionPolicy();
    }

    @Test
    public void taxesEuropeanCustomers() {
        assertEquals(20, policy.taxRate(customerIn_nostub2("EU", 30)));
    }

    @Test
    public void taxesAmericanCustomers() {
        assertEquals(7, policy.taxRate(customerIn_nostub2("US", 30)));
    }

    @Test
    public void taxesOthersAtZero() {
        assertEquals(0, policy.taxRate(customerIn_nostub2("APAC", 30)));
    }

    @Test
    public void minorsAreNotAdults() {
        assertFalse(policy.isAdult(customerIn_nostub1("EU", 12)));
    }

    @Test
    public void adultsAreAdults() {
        assertTrue(policy.isAdult(customerIn_nostub1("US", 18)));
    }

    private Customer customerIn_nostub1(String region, int age) {
        Customer customer = mock(Customer.class);
        when(customer.getAge()).thenReturn(age);
        return customer;
    }

    private Customer customerIn_nostub2(String region, int age) {
        Customer customer = mock(Customer.class);
        when(customer.getRegion()).thenReturn(region);
        return customer;
    }
}

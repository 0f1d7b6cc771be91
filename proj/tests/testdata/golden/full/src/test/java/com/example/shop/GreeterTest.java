package com.example.shop;

import static org.junit.Assert.assertEquals;
import static org.junit.Assert.assertTrue;
import static org.mockito.Mockito.mock;
import static org.mockito.Mockito.when;

import org.junit.Test;

public class GreeterTest {
    private final Greeter greeter = new Greeter();
    private final RegionPolicy policy = new RegionPolicy();

    @Test
    public void greetsPremiumByTitle() {
        assertEquals("Dear Ann", greeter.greet(premium_nostub2("Ann")));
    }

    @Test
    public void greetsRegularInformally() {
        assertEquals("Hi Bob", greeter.greet(regular_nostub2("Bob")));
    }

    @Test
    public void premiumAdultIsAdult() {
        assertTrue(policy.isAdult(premium_nostub1("Cid")));
    }

    @Test
    public void regularAdultIsAdult() {
        assertTrue(policy.isAdult(regular_nostub1("Dee")));
    }

    @Test
    public void greetsWithoutLookingAtRegion() {
        Customer customer = regular_nostub2("Ivy");
        assertEquals("Hi Ivy", greeter.greet(customer));
    }

    private Customer base_nostub1(String name) {
        Customer customer = mock(Customer.class);
        when(customer.getAge()).thenReturn(40);
        return customer;
    }

    private Customer base_nostub2(String name) {
        Customer customer = mock(Customer.class);
        when(customer.getName()).thenReturn(name);
        return customer;
    }

    private Customer premium_nostub1(String name) {
        Customer customer = base_nostub1(name);
        return customer;
    }

    private Customer premium_nostub2(String name) {
        Customer customer = base_nostub2(name);
        when(customer.isPremium()).thenReturn(true);
        return customer;
    }

    private Customer regular_nostub1(String name) {
        Customer customer = base_nostub1(name);
        return customer;
    }

    private Customer regular_nostub2(String name) {
        Customer customer = base_nostub2(name);
        when(customer.isPremium()).thenReturn(false);
        return customer;
    }
}

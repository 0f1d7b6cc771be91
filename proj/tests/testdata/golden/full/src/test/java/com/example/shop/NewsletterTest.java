package com.example.shop;

import static org.junit.Assert.assertEquals;
import static org.mockito.Mockito.mock;
import static org.mockito.Mockito.when;

import java.util.ArrayList;
import java.util.List;
import org.junit.Test;

public class NewsletterTest {
    @Test
    public void sendsToEveryone() {
        Mailer mailer = mock(Mailer.class);
        when(mailer.deliver("c0@example.com", "news")).thenReturn(true);
        List<Customer> customers = new ArrayList<>();
        for (int i = 0; i < 3; i++) {
            Customer customer = mock(Customer.class);
            when(customer.getEmail()).thenReturn("c" + i + "@example.com");
            when(customer.getName()).thenReturn("c" + i);
            customers.add(customer);
        }
        assertEquals(3, new Newsletter().sendAll(customers, mailer));
    }

    @Test
    public void skipsCustomersWithoutEmail() {
        Mailer mailer = mock(Mailer.class);
        List<Customer> customers = new ArrayList<>();
        int left = 2;
        while (left > 0) {
            Customer customer = mock(Customer.class);
            when(customer.getEmail()).thenReturn("");
            when(customer.isPremium()).thenReturn(true);
            customers.add(customer);
            left--;
        }
        assertEquals(0, new Newsletter().sendAll(customers, mailer));
    }
}
